using ShopDemo.Data.Entities;

namespace ShopDemo.Data
{
    public interface IUserRepository
    {
        int Save(User user);
        User FindByLogin(string login);
    }
}
